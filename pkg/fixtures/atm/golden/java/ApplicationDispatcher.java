import java.io.*;
import javax.swing.*;

public class ApplicationDispatcher {
    private PhsaA1 atm = new PhsaA1();
    private PhsaMonitor monitor = new PhsaMonitor();
    private PhsaCardReader card_reader = new PhsaCardReader();
    private PhsaKeyboard keyboard = new PhsaKeyboard();

    public void route(String sender, String eventId) {
        if (sender.equals("atm") && eventId.equals("ev1")) {
            monitor.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev2")) {
            card_reader.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev4")) {
            monitor.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev5")) {
            keyboard.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev9")) {
            monitor.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev10")) {
            monitor.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev11")) {
            monitor.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev12")) {
            card_reader.post(eventId);
        }
        else if (sender.equals("atm") && eventId.equals("ev14")) {
            monitor.post(eventId);
        }
    }
}
