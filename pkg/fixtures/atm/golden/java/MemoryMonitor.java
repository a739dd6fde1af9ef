import java.io.*;
import javax.swing.*;

public class MemoryMonitor {
    private HashTable variables = new HashTable();

    public MemoryMonitor() {
    }
}
